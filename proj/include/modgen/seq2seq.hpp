#ifndef MODGEN_SEQ2SEQ_HPP
#define MODGEN_SEQ2SEQ_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "modgen/errors.hpp"
#include "modgen/rng.hpp"

namespace modgen {

// Attention encoder-decoder. Unidirectional single-layer GRU encoder and
// decoder; additive attention score_j = v . tanh(W_enc h_j + W_dec s_t)
// computed from the updated decoder state; readout consumes the
// concatenated [decoder state; context]. Scalar is float for training and
// decoding, double for gradient verification.

template <typename S>
struct GruCell {
    using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

    Mat Wz, Wr, Wh;  // hidden x input
    Mat Uz, Ur, Uh;  // hidden x hidden
    Vec bz, br, bh;  // hidden

    void resize(int hidden, int input) {
        Wz.resize(hidden, input); Wr.resize(hidden, input); Wh.resize(hidden, input);
        Uz.resize(hidden, hidden); Ur.resize(hidden, hidden); Uh.resize(hidden, hidden);
        bz.resize(hidden); br.resize(hidden); bh.resize(hidden);
    }
    void set_zero() {
        Wz.setZero(); Wr.setZero(); Wh.setZero();
        Uz.setZero(); Ur.setZero(); Uh.setZero();
        bz.setZero(); br.setZero(); bh.setZero();
    }
};

template <typename S>
struct GruStep {
    using Vec = typename GruCell<S>::Vec;
    Vec z, r, hc, h;
};

// h_t = (1 - z) . h_prev + z . hc
template <typename S>
GruStep<S> gru_forward(const GruCell<S>& cell, const typename GruCell<S>::Vec& x,
                       const typename GruCell<S>::Vec& h_prev) {
    GruStep<S> out;
    out.z = ((cell.Wz * x + cell.Uz * h_prev + cell.bz).array().unaryExpr(
                 [](S a) { return S(1) / (S(1) + std::exp(-a)); }))
                .matrix();
    out.r = ((cell.Wr * x + cell.Ur * h_prev + cell.br).array().unaryExpr(
                 [](S a) { return S(1) / (S(1) + std::exp(-a)); }))
                .matrix();
    out.hc = (cell.Wh * x + cell.Uh * (out.r.cwiseProduct(h_prev)) + cell.bh)
                 .array()
                 .tanh()
                 .matrix();
    using Vec = typename GruCell<S>::Vec;
    out.h = (Vec::Ones(h_prev.size()) - out.z).cwiseProduct(h_prev) + out.z.cwiseProduct(out.hc);
    return out;
}

template <typename S>
struct Seq2SeqWeights {
    using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

    int vocab = 0, embed = 0, hidden = 0;

    Mat src_embed, tgt_embed;  // vocab x embed, one row per token
    GruCell<S> encoder, decoder;
    Mat attn_enc, attn_dec;  // hidden x hidden
    Vec attn_v;              // hidden
    Mat out_w;               // vocab x 2*hidden
    Vec out_b;               // vocab

    void resize(int v, int e, int h) {
        vocab = v; embed = e; hidden = h;
        src_embed.resize(v, e);
        tgt_embed.resize(v, e);
        encoder.resize(h, e);
        decoder.resize(h, e);
        attn_enc.resize(h, h);
        attn_dec.resize(h, h);
        attn_v.resize(h);
        out_w.resize(v, 2 * h);
        out_b.resize(v);
    }
    void set_zero() {
        src_embed.setZero(); tgt_embed.setZero();
        encoder.set_zero(); decoder.set_zero();
        attn_enc.setZero(); attn_dec.setZero(); attn_v.setZero();
        out_w.setZero(); out_b.setZero();
    }
};

// Fixed tensor enumeration shared by checkpoints, the optimizer and the
// gradient check.
template <typename S, typename F>
void for_each_tensor(Seq2SeqWeights<S>& w, F&& f) {
    f("src_embed", w.src_embed);
    f("tgt_embed", w.tgt_embed);
    f("enc_Wz", w.encoder.Wz); f("enc_Uz", w.encoder.Uz); f("enc_bz", w.encoder.bz);
    f("enc_Wr", w.encoder.Wr); f("enc_Ur", w.encoder.Ur); f("enc_br", w.encoder.br);
    f("enc_Wh", w.encoder.Wh); f("enc_Uh", w.encoder.Uh); f("enc_bh", w.encoder.bh);
    f("dec_Wz", w.decoder.Wz); f("dec_Uz", w.decoder.Uz); f("dec_bz", w.decoder.bz);
    f("dec_Wr", w.decoder.Wr); f("dec_Ur", w.decoder.Ur); f("dec_br", w.decoder.br);
    f("dec_Wh", w.decoder.Wh); f("dec_Uh", w.decoder.Uh); f("dec_bh", w.decoder.bh);
    f("attn_enc", w.attn_enc); f("attn_dec", w.attn_dec); f("attn_v", w.attn_v);
    f("out_w", w.out_w); f("out_b", w.out_b);
}

template <typename S, typename F>
void for_each_tensor(const Seq2SeqWeights<S>& w, F&& f) {
    for_each_tensor(const_cast<Seq2SeqWeights<S>&>(w), [&f](const char* name, auto& t) {
        f(name, const_cast<const std::remove_reference_t<decltype(t)>&>(t));
    });
}

// Uniform init in [-0.08, 0.08]; biases start at zero.
template <typename S>
Seq2SeqWeights<S> init_weights(int vocab, int embed, int hidden, std::uint64_t seed) {
    if (vocab < 7 || embed < 1 || hidden < 1)
        throw ContractViolation("model dims too small (vocab must cover reserved ids)");
    Seq2SeqWeights<S> w;
    w.resize(vocab, embed, hidden);
    Xorshift64Star rng(seed);
    for_each_tensor(w, [&rng](const char* name, auto& t) {
        const bool bias = std::string_view(name).find("_b") != std::string_view::npos;
        for (Eigen::Index i = 0; i < t.size(); ++i)
            t.data()[i] = bias ? S(0) : static_cast<S>(rng.next_uniform(-0.08, 0.08));
    });
    return w;
}

template <typename S>
typename Seq2SeqWeights<S>::Vec softmax(const typename Seq2SeqWeights<S>::Vec& logits) {
    typename Seq2SeqWeights<S>::Vec out = logits;
    const S mx = out.maxCoeff();
    out = (out.array() - mx).exp().matrix();
    out /= out.sum();
    return out;
}

// Encoder states for a framed id sequence (<s> ... </s>), one column per
// source position. State t depends only on positions <= t.
template <typename S>
typename Seq2SeqWeights<S>::Mat encode_sequence(const Seq2SeqWeights<S>& w,
                                                const std::vector<int>& src_ids) {
    if (src_ids.empty()) throw ContractViolation("cannot encode an empty id sequence");
    typename Seq2SeqWeights<S>::Mat states(w.hidden, static_cast<Eigen::Index>(src_ids.size()));
    typename Seq2SeqWeights<S>::Vec h = Seq2SeqWeights<S>::Vec::Zero(w.hidden);
    for (std::size_t t = 0; t < src_ids.size(); ++t) {
        const int id = src_ids[t];
        if (id < 0 || id >= w.vocab) throw ContractViolation("source id out of range");
        const typename Seq2SeqWeights<S>::Vec x = w.src_embed.row(id).transpose();
        h = gru_forward(w.encoder, x, h).h;
        states.col(static_cast<Eigen::Index>(t)) = h;
    }
    return states;
}

template <typename S>
struct Attention {
    typename Seq2SeqWeights<S>::Vec alpha;    // source length
    typename Seq2SeqWeights<S>::Mat pre_tanh; // hidden x source length (tanh applied)
    typename Seq2SeqWeights<S>::Vec context;  // hidden
};

template <typename S>
Attention<S> attend(const Seq2SeqWeights<S>& w, const typename Seq2SeqWeights<S>::Mat& enc_states,
                    const typename Seq2SeqWeights<S>::Mat& enc_proj,
                    const typename Seq2SeqWeights<S>::Vec& dec_state) {
    Attention<S> out;
    const typename Seq2SeqWeights<S>::Vec dproj = w.attn_dec * dec_state;
    out.pre_tanh = (enc_proj.colwise() + dproj).array().tanh().matrix();
    const typename Seq2SeqWeights<S>::Vec scores = out.pre_tanh.transpose() * w.attn_v;
    out.alpha = softmax<S>(scores);
    out.context = enc_states * out.alpha;
    return out;
}

template <typename S>
struct DecodeStep {
    typename Seq2SeqWeights<S>::Vec probs;  // vocab, sums to 1
    typename Seq2SeqWeights<S>::Vec state;  // hidden
    typename Seq2SeqWeights<S>::Vec attn;   // source length
};

// One decoder step: advance the GRU on the previous token embedding, attend
// over the encoder states, project [state; context] to the vocabulary.
template <typename S>
DecodeStep<S> decode_step(const Seq2SeqWeights<S>& w,
                          const typename Seq2SeqWeights<S>::Vec& dec_state, int prev_id,
                          const typename Seq2SeqWeights<S>::Mat& enc_states) {
    if (prev_id < 0 || prev_id >= w.vocab) throw ContractViolation("decoder id out of range");
    if (enc_states.rows() != w.hidden || dec_state.size() != w.hidden)
        throw ContractViolation("decoder state / encoder state dimension mismatch");
    const typename Seq2SeqWeights<S>::Mat enc_proj = w.attn_enc * enc_states;
    const typename Seq2SeqWeights<S>::Vec x = w.tgt_embed.row(prev_id).transpose();
    GruStep<S> g = gru_forward(w.decoder, x, dec_state);
    Attention<S> att = attend(w, enc_states, enc_proj, g.h);
    typename Seq2SeqWeights<S>::Vec joint(2 * w.hidden);
    joint << g.h, att.context;
    DecodeStep<S> out;
    out.probs = softmax<S>((w.out_w * joint + w.out_b).eval());
    out.state = g.h;
    out.attn = att.alpha;
    return out;
}

// ---- training forward/backward ----

struct EncodedPair {
    std::vector<int> src;  // framed: <s> ... </s>
    std::vector<int> tgt;  // unframed output tokens
};

template <typename S>
struct StepTrace {
    int prev_id = 0;
    int target = 0;
    GruStep<S> gru;
    Attention<S> att;
    typename Seq2SeqWeights<S>::Vec probs;
};

template <typename S>
struct ForwardTrace {
    std::vector<GruStep<S>> enc_steps;
    std::vector<int> src_ids;
    typename Seq2SeqWeights<S>::Mat enc_states;  // hidden x T
    typename Seq2SeqWeights<S>::Mat enc_proj;    // hidden x T
    std::vector<StepTrace<S>> dec_steps;
    double loss_sum = 0.0;  // summed cross entropy over target tokens + </s>
    int n_tokens = 0;
};

inline constexpr int kBosIdInternal = 1;  // mirrors Vocabulary::kBosId
inline constexpr int kEosIdInternal = 2;  // mirrors Vocabulary::kEosId

template <typename S>
ForwardTrace<S> forward_trace(const Seq2SeqWeights<S>& w, const EncodedPair& pair) {
    ForwardTrace<S> tr;
    tr.src_ids = pair.src;
    const std::size_t T = pair.src.size();
    if (T == 0) throw ContractViolation("empty source sequence");
    tr.enc_states.resize(w.hidden, static_cast<Eigen::Index>(T));
    typename Seq2SeqWeights<S>::Vec h = Seq2SeqWeights<S>::Vec::Zero(w.hidden);
    for (std::size_t t = 0; t < T; ++t) {
        const typename Seq2SeqWeights<S>::Vec x = w.src_embed.row(pair.src[t]).transpose();
        GruStep<S> g = gru_forward(w.encoder, x, h);
        h = g.h;
        tr.enc_states.col(static_cast<Eigen::Index>(t)) = h;
        tr.enc_steps.push_back(std::move(g));
    }
    tr.enc_proj = w.attn_enc * tr.enc_states;

    std::vector<int> inputs = {kBosIdInternal};
    inputs.insert(inputs.end(), pair.tgt.begin(), pair.tgt.end());
    std::vector<int> targets = pair.tgt;
    targets.push_back(kEosIdInternal);

    typename Seq2SeqWeights<S>::Vec s = tr.enc_states.col(static_cast<Eigen::Index>(T - 1));
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        StepTrace<S> st;
        st.prev_id = inputs[i];
        st.target = targets[i];
        const typename Seq2SeqWeights<S>::Vec x = w.tgt_embed.row(st.prev_id).transpose();
        st.gru = gru_forward(w.decoder, x, s);
        s = st.gru.h;
        st.att = attend(w, tr.enc_states, tr.enc_proj, s);
        typename Seq2SeqWeights<S>::Vec joint(2 * w.hidden);
        joint << s, st.att.context;
        st.probs = softmax<S>((w.out_w * joint + w.out_b).eval());
        tr.loss_sum += -std::log(static_cast<double>(st.probs(st.target)));
        ++tr.n_tokens;
        tr.dec_steps.push_back(std::move(st));
    }
    return tr;
}

// Accumulates d(loss_sum)/d(theta) into grads (same shapes as the weights,
// zeroed by the caller).
template <typename S>
void backward_trace(const Seq2SeqWeights<S>& w, const ForwardTrace<S>& tr,
                    Seq2SeqWeights<S>& grads) {
    using Vec = typename Seq2SeqWeights<S>::Vec;
    using Mat = typename Seq2SeqWeights<S>::Mat;
    const Eigen::Index T = tr.enc_states.cols();
    const Eigen::Index H = w.hidden;

    Mat d_enc_states = Mat::Zero(H, T);
    Vec d_state_carry = Vec::Zero(H);

    auto gru_backward = [&](const GruCell<S>& cell, GruCell<S>& g, const Vec& x,
                            const Vec& h_prev, const GruStep<S>& st, const Vec& dh, Vec& dx_out,
                            Vec& dh_prev_out) {
        const Vec dz = dh.cwiseProduct(st.hc - h_prev);
        const Vec dhc = dh.cwiseProduct(st.z);
        Vec dh_prev = dh.cwiseProduct(Vec::Ones(H) - st.z);

        const Vec da_h = dhc.cwiseProduct(Vec::Ones(H) - st.hc.cwiseProduct(st.hc));
        g.Wh.noalias() += da_h * x.transpose();
        g.Uh.noalias() += da_h * (st.r.cwiseProduct(h_prev)).transpose();
        g.bh += da_h;
        const Vec d_rh = cell.Uh.transpose() * da_h;
        const Vec dr = d_rh.cwiseProduct(h_prev);
        dh_prev += d_rh.cwiseProduct(st.r);

        const Vec da_r = dr.cwiseProduct(st.r).cwiseProduct(Vec::Ones(H) - st.r);
        g.Wr.noalias() += da_r * x.transpose();
        g.Ur.noalias() += da_r * h_prev.transpose();
        g.br += da_r;
        dh_prev.noalias() += cell.Ur.transpose() * da_r;

        const Vec da_z = dz.cwiseProduct(st.z).cwiseProduct(Vec::Ones(H) - st.z);
        g.Wz.noalias() += da_z * x.transpose();
        g.Uz.noalias() += da_z * h_prev.transpose();
        g.bz += da_z;
        dh_prev.noalias() += cell.Uz.transpose() * da_z;

        dx_out = cell.Wh.transpose() * da_h + cell.Wr.transpose() * da_r +
                 cell.Wz.transpose() * da_z;
        dh_prev_out = dh_prev;
    };

    // decoder, last step first
    for (int i = static_cast<int>(tr.dec_steps.size()) - 1; i >= 0; --i) {
        const StepTrace<S>& st = tr.dec_steps[static_cast<std::size_t>(i)];
        const Vec s = st.gru.h;
        const Vec s_prev = i == 0 ? Vec(tr.enc_states.col(T - 1))
                                  : tr.dec_steps[static_cast<std::size_t>(i - 1)].gru.h;

        Vec dlogits = st.probs;
        dlogits(st.target) -= S(1);

        Vec joint(2 * H);
        joint << s, st.att.context;
        grads.out_w.noalias() += dlogits * joint.transpose();
        grads.out_b += dlogits;
        const Vec djoint = w.out_w.transpose() * dlogits;
        Vec ds = djoint.head(H) + d_state_carry;
        const Vec dc = djoint.tail(H);

        // context = enc_states * alpha
        Vec dalpha = tr.enc_states.transpose() * dc;
        d_enc_states.noalias() += dc * st.att.alpha.transpose();

        // alpha = softmax(scores)
        const S dot = st.att.alpha.dot(dalpha);
        const Vec dscore = st.att.alpha.cwiseProduct(
            dalpha - Vec::Constant(T, dot));

        // scores_j = v . u_j, u = tanh(enc_proj + W_dec s)
        grads.attn_v.noalias() += st.att.pre_tanh * dscore;
        const Mat dA = (w.attn_v * dscore.transpose())
                           .cwiseProduct(Mat::Ones(H, T) -
                                         st.att.pre_tanh.cwiseProduct(st.att.pre_tanh));
        grads.attn_enc.noalias() += dA * tr.enc_states.transpose();
        d_enc_states.noalias() += w.attn_enc.transpose() * dA;
        const Vec dA_sum = dA.rowwise().sum();
        grads.attn_dec.noalias() += dA_sum * s.transpose();
        ds.noalias() += w.attn_dec.transpose() * dA_sum;

        const Vec x = w.tgt_embed.row(st.prev_id).transpose();
        Vec dx(w.embed), dh_prev(H);
        gru_backward(w.decoder, grads.decoder, x, s_prev, st.gru, ds, dx, dh_prev);
        grads.tgt_embed.row(st.prev_id) += dx.transpose();
        d_state_carry = dh_prev;
    }
    // the decoder started from the last encoder state
    d_enc_states.col(T - 1) += d_state_carry;

    // encoder, last position first
    Vec carry = Vec::Zero(H);
    for (Eigen::Index t = T - 1; t >= 0; --t) {
        const Vec dh = d_enc_states.col(t) + carry;
        const GruStep<S>& st = tr.enc_steps[static_cast<std::size_t>(t)];
        const Vec h_prev =
            t == 0 ? Vec(Vec::Zero(H)) : tr.enc_steps[static_cast<std::size_t>(t - 1)].h;
        const Vec x = w.src_embed.row(tr.src_ids[static_cast<std::size_t>(t)]).transpose();
        Vec dx(w.embed), dh_prev(H);
        gru_backward(w.encoder, grads.encoder, x, h_prev, st, dh, dx, dh_prev);
        grads.src_embed.row(tr.src_ids[static_cast<std::size_t>(t)]) += dx.transpose();
        carry = dh_prev;
    }
}

// ---- checkpoint I/O (float32 on disk, little endian, row major) ----

void save_checkpoint(std::ostream& out, const Seq2SeqWeights<float>& w);
Seq2SeqWeights<float> load_checkpoint(std::istream& in);

template <typename To, typename From>
Seq2SeqWeights<To> cast_weights(const Seq2SeqWeights<From>& w) {
    Seq2SeqWeights<To> out;
    out.resize(w.vocab, w.embed, w.hidden);
    for_each_tensor(w, [&out](const char* name, const auto& t) {
        for_each_tensor(out, [&](const char* name2, auto& t2) {
            if (std::string_view(name) == name2)
                for (Eigen::Index i = 0; i < t.size(); ++i)
                    t2.data()[i] = static_cast<To>(t.data()[i]);
        });
    });
    return out;
}

}  // namespace modgen

#endif
